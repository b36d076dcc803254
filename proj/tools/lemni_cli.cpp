// placeholder while the library comes up; the real CLI lands with the
// pipeline modules
#include <cstdio>

int main() {
  std::puts("lemni: not wired up yet");
  return 1;
}
