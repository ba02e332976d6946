#pragma once

#include "cache.hpp"
#include "closed_form.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "homomorphism.hpp"
#include "hypergraph.hpp"
#include "io.hpp"
#include "lagrangian.hpp"
#include "rational.hpp"
