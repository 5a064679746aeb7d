#include <iostream>

#include "devolve/cli.hpp"

int main(int argc, char** argv) { return devolve::cli::run(argc, argv, std::cout, std::cerr); }
