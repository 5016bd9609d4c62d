#include <iostream>
#include <string>
#include <vector>

#include "wmd/io.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return wmd::io::run(args, std::cout, std::cerr);
}
