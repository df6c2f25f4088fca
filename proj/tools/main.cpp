#include <iostream>

#include "hypsurf/cli.hpp"

int main(int argc, char** argv) { return hypsurf::run_cli(argc, argv, std::cout, std::cerr); }
