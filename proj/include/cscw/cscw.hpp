#pragma once

// Umbrella header: the whole workbench in one include.

#include <cscw/certificate.hpp>
#include <cscw/classify.hpp>
#include <cscw/closure.hpp>
#include <cscw/coding.hpp>
#include <cscw/encodings.hpp>
#include <cscw/error.hpp>
#include <cscw/families.hpp>
#include <cscw/forcing.hpp>
#include <cscw/functional_table.hpp>
#include <cscw/instance.hpp>
#include <cscw/pipelines.hpp>
#include <cscw/priority.hpp>
#include <cscw/solvers.hpp>
#include <cscw/space.hpp>
