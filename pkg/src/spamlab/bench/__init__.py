from .config import *
from .emit import *
from .experiment import *
