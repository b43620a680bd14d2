#include <vector>
#include <string>

#include "vexlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vexlab::run_cli(args);
}
