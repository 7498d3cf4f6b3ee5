#include <iostream>

#include "cgate/cli/cli.h"

int main(int argc, char** argv) { return cgate::cli::Run(argc, argv, std::cout, std::cerr); }
