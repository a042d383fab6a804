#include <cstdio>

int main() {
    std::puts("varrob cli placeholder");
    return 0;
}
