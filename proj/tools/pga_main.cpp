#include <vector>

#include "pga/cli.hpp"

int main(int argc, char** argv) {
    return pga::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
