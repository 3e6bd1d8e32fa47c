#include <clocale>
#include <iostream>
#include <locale>

#include "cli_commands.hpp"

int main(int argc, char** argv)
{
    std::setlocale(LC_ALL, "C");
    std::locale::global(std::locale::classic());
    std::cout.imbue(std::locale::classic());
    const gjn::cli::Result r = gjn::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << r.out << std::flush;
    std::cerr << r.err << std::flush;
    return r.code;
}
