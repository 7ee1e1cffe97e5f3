#ifndef CNBRACKET_CNBRACKET_HPP
#define CNBRACKET_CNBRACKET_HPP

#include "cnbracket/association.hpp"
#include "cnbracket/bracketer.hpp"
#include "cnbracket/error.hpp"
#include "cnbracket/evaluation.hpp"
#include "cnbracket/extraction.hpp"
#include "cnbracket/lexicon.hpp"
#include "cnbracket/thesaurus.hpp"

#endif  // CNBRACKET_CNBRACKET_HPP
