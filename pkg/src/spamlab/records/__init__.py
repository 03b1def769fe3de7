from .corpus import *
from .evaluation import *
from .report import *
