#pragma once

#include "fsmsolc/ast.hpp"
#include "fsmsolc/diagnostics.hpp"
#include "fsmsolc/emitter.hpp"
#include "fsmsolc/gas_model.hpp"
#include "fsmsolc/interpreter.hpp"
#include "fsmsolc/parser.hpp"
#include "fsmsolc/schedule.hpp"
#include "fsmsolc/search.hpp"
#include "fsmsolc/serializer.hpp"
#include "fsmsolc/solidity_subset.hpp"
#include "fsmsolc/validate.hpp"
#include "fsmsolc/value.hpp"
#include "fsmsolc/weaver.hpp"
