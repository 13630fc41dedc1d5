#include <iostream>
#include <string>
#include <vector>

#include "oscstat/cli/job.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return oscstat::cli::run_cli(args, std::cout, std::cerr);
}
