from pathlib import Path

ConfigDirectory = Path('.plap')

SeedVariable = 'PLAP_SEED'
DefaultSeed = 0x5EED

DefaultSchedule = (2.0, 1.8, 1.6, 1.4, 1.3, 1.2, 1.1, 1.05)

OracleCap = 16
DenseCap = 2000
ColoringCap = 16
BipartitenessCap = 20

# magnitudes closer than this are one threshold
Resolution = 1e-12

SubgraphTrials = 20

# the exact psi witness seeds MinimizeQ up to this size
WitnessStartCap = 12

VectorPrintLimit = 50
VectorDigits = 12
SchemaVersion = 1
