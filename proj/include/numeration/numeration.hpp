#ifndef NUMERATION_NUMERATION_HPP
#define NUMERATION_NUMERATION_HPP

#include "analysis.hpp"
#include "automata.hpp"
#include "bertrand.hpp"
#include "common.hpp"
#include "numsys.hpp"
#include "polynomial.hpp"
#include "realbase.hpp"
#include "words.hpp"

#endif  // NUMERATION_NUMERATION_HPP
