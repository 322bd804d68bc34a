#include <iostream>

#include "dtangle/cli.hpp"

int main(int argc, char** argv) {
    return dtangle::run_cli(argc, argv, std::cout, std::cerr);
}
