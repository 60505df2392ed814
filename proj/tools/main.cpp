#include <cstdio>

int main() {
  std::puts("boostmg: cli wiring pending");
  return 0;
}
