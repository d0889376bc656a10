#pragma once

#include "cyclonum/errors.hpp"
#include "cyclonum/integer.hpp"
#include "cyclonum/poly.hpp"
#include "cyclonum/field.hpp"
#include "cyclonum/oracle.hpp"
#include "cyclonum/rank.hpp"
#include "cyclonum/characters.hpp"
#include "cyclonum/closed_forms.hpp"
#include "cyclonum/digraph.hpp"
#include "cyclonum/prime_ell.hpp"
#include "cyclonum/properties.hpp"
#include "cyclonum/consistency.hpp"
