#pragma once

#include "crseq/error.hpp"
#include "crseq/rational.hpp"
#include "crseq/polynomial.hpp"
#include "crseq/sequence.hpp"
#include "crseq/modular.hpp"
#include "crseq/berlekamp_massey.hpp"
#include "crseq/rank.hpp"
#include "crseq/bounds.hpp"
#include "crseq/explorer.hpp"
#include "crseq/lattice.hpp"
#include "crseq/golden.hpp"
#include "crseq/io.hpp"
#include "crseq/format.hpp"
#include "crseq/reproduce.hpp"
#include "crseq/catalog.hpp"
