#include <iostream>

#include "ttlab/cli.hpp"

int main(int argc, char** argv) { return ttlab::run_cli(argc, argv, std::cout, std::cerr); }
