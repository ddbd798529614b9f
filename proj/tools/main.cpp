#include <iostream>

#include "dcluster/cli.hpp"

int main(int argc, char** argv) { return dcluster::run_cli(argc, argv, std::cout, std::cerr); }
