#include "maysseq/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return maysseq::run_cli(argc, argv, std::cout, std::cerr);
}
