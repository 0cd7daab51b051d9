#include "orthosym/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return orthosym::run_cli(argc, argv, std::cout, std::cerr); }
