#include <iostream>

#include "hellinger_bandits/cli.hpp"

int main(int argc, char** argv) { return hb::cli::run(argc, argv, std::cout, std::cerr); }
