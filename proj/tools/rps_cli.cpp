#include <exception>
#include <iostream>

#include "rps/cli.hpp"
#include "rps/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    rps::cli::RunConfig config = rps::cli::parse_args(args);
    return rps::cli::execute(config, std::cout);
  } catch (const rps::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const rps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case rps::ErrorCode::unknown_command:
      case rps::ErrorCode::bad_spec_string:
      case rps::ErrorCode::missing_input:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
