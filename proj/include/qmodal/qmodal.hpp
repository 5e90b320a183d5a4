#pragma once

#include "qmodal/bimodal.hpp"
#include "qmodal/cli.hpp"
#include "qmodal/error.hpp"
#include "qmodal/formula.hpp"
#include "qmodal/grading.hpp"
#include "qmodal/groupoid.hpp"
#include "qmodal/lattice.hpp"
#include "qmodal/model_doc.hpp"
#include "qmodal/nucleus.hpp"
#include "qmodal/parser.hpp"
#include "qmodal/quantale.hpp"
#include "qmodal/relation.hpp"
#include "qmodal/semantics.hpp"
#include "qmodal/tensor.hpp"
#include "qmodal/tensor_laws.hpp"
