// Command-line front end. Placeholder main; subcommands land with the
// remaining modules.
#include <iostream>

int main() {
    std::cout << "ecsched\n";
    return 0;
}
