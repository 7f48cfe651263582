from .config import GeneratorConfig
from .panel import PanelDataset, HouseholdRecord
from .population import Population, LgaProfile, AgentProfile, generate_population
from .migration import simulate_migration
from .attrition import apply_attrition
from .risk import assign_risk_answers
