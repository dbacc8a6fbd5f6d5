#include <iostream>

#include "ptloc/cli.hpp"

int main(int argc, char** argv) { return ptloc::run_cli(argc, argv, std::cout); }
