#include <iostream>

#include "confal/cli.hpp"

int main(int argc, char** argv) { return confal::run_cli(argc, argv, std::cout, std::cerr); }
