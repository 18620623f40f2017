#pragma once

#include "totient_ratio/diophantine.hpp"
#include "totient_ratio/error.hpp"
#include "totient_ratio/factored.hpp"
#include "totient_ratio/oracle.hpp"
#include "totient_ratio/primes.hpp"
#include "totient_ratio/representation.hpp"
#include "totient_ratio/text.hpp"
#include "totient_ratio/totient.hpp"
