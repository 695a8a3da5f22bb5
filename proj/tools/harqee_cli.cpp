#include "harqee/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return harqee::run_cli(argc, argv, std::cout, std::cerr);
}
