#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const char* color_env = std::getenv("UCP_COLOR");
    bool color = isatty(STDOUT_FILENO) && !(color_env && std::strcmp(color_env, "0") == 0);
    return ucp::cli::run_cli(args, std::cin, std::cout, std::cerr, color);
}
