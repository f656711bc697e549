from . import bias_curve, bootstrap, estimate, experiment, generate, hmm_entropy

COMMANDS = [generate, estimate, bootstrap, hmm_entropy, experiment, bias_curve]
