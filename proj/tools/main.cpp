#include <iostream>

#include "realtopo/cli.hpp"

int main(int argc, char** argv) { return realtopo::cli_main(argc, argv, std::cout, std::cerr); }
