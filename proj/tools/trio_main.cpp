#include <iostream>

#include "trio/cli.hpp"

int main(int argc, char** argv) { return trio::run_cli(argc, argv, std::cout, std::cerr); }
