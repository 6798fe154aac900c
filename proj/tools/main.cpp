#include <iostream>

#include "app/commands.hpp"

int main(int argc, char** argv) { return quadax::app::run(argc, argv, std::cout, std::cerr); }
