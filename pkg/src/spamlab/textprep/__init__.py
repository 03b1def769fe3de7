from .pipeline import *
from .stemmer import *
from .stopwords import *
from .tokenizer import *
