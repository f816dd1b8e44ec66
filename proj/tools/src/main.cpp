#include <iostream>

#include "causal_cli/app.hpp"

int main(int argc, char** argv) { return causal::cli::run_app(argc, argv, std::cout, std::cerr); }
