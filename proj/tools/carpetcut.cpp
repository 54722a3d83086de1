#include <iostream>

#include "carpetcut/cli.hpp"

int main(int argc, char** argv) { return carpetcut::run(argc, argv, std::cout, std::cerr); }
