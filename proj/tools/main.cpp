#include <iostream>

#include "arls/cli.hpp"

int main(int argc, char** argv) {
    return arls::run_cli(argc, argv, std::cout, std::cerr);
}
