#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from src.cycles.cycle_types import CycleKind
from src.cycles.cycle_types import CycleReport
from src.cycles.cycle_types import Numerics
from src.cycles.cycle_types import OperationMode
from src.cycles.cycle_types import OttoSpec
from src.cycles.cycle_types import StirlingSpec
from src.cycles.classify_mode import classify_mode
from src.cycles.classify_mode import engine_efficiency
from src.cycles.otto_cycle import OttoHeats
from src.cycles.otto_cycle import otto_heats
from src.cycles.otto_cycle import otto_report
from src.cycles.stirling_cycle import CycleConsistencyError
from src.cycles.stirling_cycle import StirlingHeats
from src.cycles.stirling_cycle import stirling_heats
from src.cycles.stirling_cycle import stirling_report
from src.cycles.stirling_cycle import stirling_work_grand
