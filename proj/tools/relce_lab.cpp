#include <cstdlib>
#include <iostream>

#include "relce/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> cap;
    if (const char* env = std::getenv("RELCE_SCAN_CAP")) cap = env;
    return relce::cli::run_cli(args, {std::cout, std::cerr, cap});
}
