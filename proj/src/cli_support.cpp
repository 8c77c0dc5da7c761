#include "srp/cli_support.hpp"
