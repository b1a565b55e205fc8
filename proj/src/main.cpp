#include <iostream>

int main() {
  std::cout << "notionlab\n";
  return 0;
}
