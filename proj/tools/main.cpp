#include <iostream>
#include <string>
#include <vector>

#include "twistplane/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return twistplane::cli::run(std::move(args), std::cout, std::cerr);
}
