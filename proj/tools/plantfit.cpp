#include "plantfit/cli.hpp"

int main(int argc, char** argv) { return plantfit::cli::run(argc, argv); }
