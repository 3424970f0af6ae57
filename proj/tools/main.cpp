#include <iostream>

#include "polydisc_cli/app.hpp"

int main(int argc, char** argv) { return polydisc::cli::run(argc, argv, std::cout, std::cerr); }
