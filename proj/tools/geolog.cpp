#include <iostream>

#include "geolog/cli.hpp"

int main(int argc, char** argv) { return geolog::run_cli(argc, argv, std::cout, std::cerr); }
