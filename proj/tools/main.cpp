#include <iostream>

#include "wco/cli.hpp"

int main(int argc, char** argv) { return wco::run_cli(argc, argv, std::cout, std::cerr); }
