#pragma once

// Everything at once.
#include "diagforge/errors.hpp"
#include "diagforge/nat.hpp"
#include "diagforge/pairing.hpp"
#include "diagforge/pr_term.hpp"
#include "diagforge/pr_eval.hpp"
#include "diagforge/index.hpp"
#include "diagforge/godel.hpp"
#include "diagforge/tm.hpp"
#include "diagforge/tm_numbering.hpp"
#include "diagforge/cycle.hpp"
#include "diagforge/bounded.hpp"
#include "diagforge/halting.hpp"
#include "diagforge/catalog.hpp"
#include "diagforge/atm.hpp"
#include "diagforge/ittm.hpp"
#include "diagforge/diagonal.hpp"
#include "diagforge/registry.hpp"
#include "diagforge/report.hpp"
#include "diagforge/sweep.hpp"
#include "diagforge/config.hpp"
