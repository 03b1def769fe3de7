from .vectorizer import *
from .vocabulary import *
