#include <iostream>
#include <string>
#include <vector>

#include "khab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return khab::run_cli(args, std::cout, std::cerr);
}
