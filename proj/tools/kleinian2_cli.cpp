#include <iostream>

#include "kleinian2/cli.hpp"

int main(int argc, char** argv) { return kleinian2::run_cli(argc, argv, std::cout, std::cerr); }
