#include <iostream>

#include "cwb/cli.hpp"

int main(int argc, char** argv) { return cwb::cli::run(argc, argv, std::cout, std::cerr); }
