#include <iostream>
#include <string>
#include <vector>

#include "cjl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cjl::cli::run(args, std::cout, std::cerr);
}
