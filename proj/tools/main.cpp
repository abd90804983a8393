#include <iostream>

#include "opaque/cli.hpp"

int main(int argc, char** argv) {
    return opaque::run_cli({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
