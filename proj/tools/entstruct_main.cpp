#include <string>
#include <vector>

#include "entstruct/cli.hpp"

int main(int argc, char** argv) {
  return entstruct::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
