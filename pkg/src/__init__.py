#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import src.material as material
import src.quadrature as quadrature
import src.statmech as statmech
import src.cycles as cycles
import src.sweep as sweep
import src.unit_conversions as unit_conversions
import src.run_config as run_config
import src.emit_results as emit_results
