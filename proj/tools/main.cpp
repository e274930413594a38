#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto request = canonsys::cli::parse_command_line(argc, argv, std::cout, std::cerr, code);
  if (!request) return code;
  return canonsys::cli::run(*request, std::cout, std::cerr);
}
