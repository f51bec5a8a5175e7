#include <iostream>

#include "gramdisc/cli_io.hpp"

int main(int argc, char** argv) {
  gramdisc::cli::RunConfig config;
  if (const auto code = gramdisc::cli::parse(argc, argv, config, std::cout, std::cerr)) return *code;
  return gramdisc::cli::run(config, std::cout, std::cerr);
}
