#include <string>
#include <vector>

#include "sumopt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sumopt::cli::run(args);
}
