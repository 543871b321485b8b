#include <iostream>

#include "parcv/cli.hpp"

int main(int argc, char** argv) { return parcv::cli_main(argc, argv, std::cout, std::cerr); }
