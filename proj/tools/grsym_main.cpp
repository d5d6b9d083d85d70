#include <cstdio>

int main() {
  std::puts("grsym: session layer not wired yet");
  return 0;
}
