#include <iostream>

#include "cfprime/cli.hpp"

int main(int argc, char** argv) { return cfprime::cli::run(argc, argv, std::cout, std::cerr); }
