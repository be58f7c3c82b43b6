#include <iostream>

#include "hawkes/commands.hpp"

int main(int argc, char** argv) { return hawkes::run_cli(argc, argv, std::cout, std::cerr); }
