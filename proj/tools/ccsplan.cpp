#include "ccsplan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ccsplan::run_cli(argc, argv, std::cout, std::cerr); }
