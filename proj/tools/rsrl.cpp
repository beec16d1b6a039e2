#include <iostream>

#include "rsrl/runtime/cli.hpp"

int main(int argc, char** argv) { return rsrl::runtime::run_cli(argc, argv, std::cout, std::cerr); }
