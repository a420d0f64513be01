#include <iostream>

#include "qle/cli/commands.hpp"

int main(int argc, char** argv) {
    return qle::cli::run(argc, argv, std::cout, std::cerr);
}
