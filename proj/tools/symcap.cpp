#include <iostream>

#include "symcap/cli.hpp"

int main(int argc, char** argv) { return symcap::dispatch(argc, argv, std::cout, std::cerr); }
