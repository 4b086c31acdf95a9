#include <iostream>

#include "patcover/app.hpp"

int main(int argc, char** argv) { return patcover::run_cli(argc, argv, std::cout, std::cerr); }
