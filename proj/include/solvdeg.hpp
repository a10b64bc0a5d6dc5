#pragma once

#include "solvdeg/error.hpp"
#include "solvdeg/numth.hpp"
#include "solvdeg/modmat.hpp"
#include "solvdeg/poly.hpp"
#include "solvdeg/gf.hpp"
#include "solvdeg/group.hpp"
#include "solvdeg/chardeg.hpp"
#include "solvdeg/pgroup.hpp"
#include "solvdeg/action.hpp"
#include "solvdeg/families.hpp"
#include "solvdeg/io.hpp"
#include "solvdeg/corpus.hpp"
#include "solvdeg/selfcheck.hpp"
