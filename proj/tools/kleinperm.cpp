#include <cstdio>

int main() {
    std::puts("kleinperm: placeholder");
    return 0;
}
