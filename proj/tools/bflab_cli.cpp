#include <iostream>

int main() {
  std::cout << "bflab: subcommands pending\n";
  return 0;
}
