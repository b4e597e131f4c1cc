#pragma once

#include "aabeta/attacks.hpp"
#include "aabeta/bench.hpp"
#include "aabeta/bigint.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/codec.hpp"
#include "aabeta/demos.hpp"
#include "aabeta/errors.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/lattice.hpp"
#include "aabeta/pitfalls.hpp"
#include "aabeta/prime.hpp"
#include "aabeta/random.hpp"
#include "aabeta/serial.hpp"
#include "aabeta/sizes.hpp"
