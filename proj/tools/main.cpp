#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return fpc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
