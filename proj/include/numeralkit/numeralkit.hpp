#pragma once

#include "numeralkit/error.hpp"
#include "numeralkit/utf8.hpp"
#include "numeralkit/decimal.hpp"
#include "numeralkit/script_registry.hpp"
#include "numeralkit/numeral_codec.hpp"
#include "numeralkit/locale_format.hpp"
#include "numeralkit/arithmetic.hpp"
#include "numeralkit/prompt_catalog.hpp"
#include "numeralkit/benchmark_builder.hpp"
#include "numeralkit/scoring.hpp"
#include "numeralkit/corpus_scanner.hpp"
#include "numeralkit/tokenization.hpp"
#include "numeralkit/regression.hpp"
#include "numeralkit/records.hpp"
#include "numeralkit/collect.hpp"
