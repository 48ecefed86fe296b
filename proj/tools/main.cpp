#include <iostream>

#include "openpath/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto r = openpath::run_command(args);
    std::cout << r.out << std::flush;
    return r.code;
}
