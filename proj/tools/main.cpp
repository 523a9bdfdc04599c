#include <string>
#include <vector>

#include "nonlocal/study.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nonlocal::cli_main(args);
}
