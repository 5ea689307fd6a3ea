#include "cli.hpp"

int main(int argc, char** argv)
{
    return campo::cli::run(argc, argv, std::cout, std::cerr);
}
