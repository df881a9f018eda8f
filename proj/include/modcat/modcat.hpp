#pragma once

#include "modcat/types.hpp"
#include "modcat/fusion_data.hpp"
#include "modcat/homspace.hpp"
#include "modcat/invariants.hpp"
#include "modcat/algebra.hpp"
#include "modcat/product_center.hpp"
#include "modcat/cardy.hpp"
#include "modcat/bundled.hpp"
#include "modcat/bundled_algebras.hpp"
#include "modcat/io.hpp"
#include "modcat/bundle.hpp"
