#include <unistd.h>

#include <cstdio>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    bettifan::cli::Streams io{std::cin, std::cout, std::cerr, isatty(fileno(stdout)) != 0};
    return bettifan::cli::run(argc, argv, io);
}
