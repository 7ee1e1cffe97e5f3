#include <iostream>

#include "cn_bracket_cli.hpp"

int main(int argc, char** argv) {
  return cnbracket::cli::run(argc, argv, std::cout, std::cerr);
}
