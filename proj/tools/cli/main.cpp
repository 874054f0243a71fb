#include <iostream>

#include "dispatch.hpp"

int main(int argc, char** argv) { return sawom::cli::run_cli(argc, argv, std::cout, std::cerr); }
