#pragma once

#include "intseq/bench.hpp"
#include "intseq/cli.hpp"
#include "intseq/hamming.hpp"
#include "intseq/primes.hpp"
#include "intseq/stream_core.hpp"
#include "intseq/ulam.hpp"
