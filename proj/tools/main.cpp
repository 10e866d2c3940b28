#include <iostream>
#include <vector>

#include "liegrad/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return liegrad::cli_run(args, std::cout, std::cerr);
}
