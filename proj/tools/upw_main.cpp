#include <iostream>

#include "upw/cli.hpp"

int main(int argc, char** argv) {
    return upw::cli_run(argc, argv, std::cout, std::cerr);
}
