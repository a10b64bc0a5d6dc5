#pragma once

#include "solvdeg/corpus.hpp"

namespace fixtures = solvdeg::corpus;
