#include <iostream>

#include "ordrel/cli.hpp"

int main(int argc, char** argv) { return ordrel::run_cli(argc, argv, std::cout, std::cerr); }
