#include "cyclap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cyclap::cli::run(argc, argv, std::cout, std::cerr); }
