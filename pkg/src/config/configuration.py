import os
import yaml


#============================================================


class Config:


    _instance = None

    def __new__(cls, config_file):

        """
        Return the process-wide Config, loading it on first use.
        Args:
            config_file (str): path to the YAML configuration file.
        Returns:
            Config: the single Config instance.
        """

        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
            cls._load_config(cls._instance, config_file)
        return cls._instance

    @staticmethod

    def _load_config(instance, config_file):
        """
        Read the YAML file and attach one section object per top-level key.
        Args:
            instance (Config): the Config instance
            config_file (str): path to the YAML configuration file

        """

        with open(config_file, 'r') as file:
                config_data = yaml.safe_load(file) or {}
                instance.app = Config.app(config_data.get("app") or {})
                instance.generator = Config.generator(config_data.get("generator") or {})
                instance.expansion = Config.expansion(config_data.get("expansion") or {})
                instance.roundtrip = Config.roundtrip(config_data.get("roundtrip") or {})
                instance.iso = Config.iso(config_data.get("iso") or {})

    class app:

         def __init__(self, data):

            self.name = data.get('name', 'proofnet-taylor')
            self.environment = data.get('environment', 'local')
            self.log_level = str(data.get('log_level', 'info')).upper()


    class generator:

        def __init__(self, data):

            self.max_depth = data.get('max_depth', 2)
            self.max_boxes_per_level = data.get('max_boxes_per_level', 2)
            self.max_cosize = data.get('max_cosize', 3)
            self.max_ports = data.get('max_ports', 24)
            self.allow_cuts = data.get('allow_cuts', False)
            self.seed = data.get('seed', 0)


    class expansion:

        def __init__(self, data):

            self.uniform_copies = data.get('uniform_copies', 1)
            self.level = data.get('level', 0)


    class roundtrip:

        def __init__(self, data):

            self.trials = data.get('trials', 50)
            self.seed = data.get('seed', 7)
            self.max_depth = data.get('max_depth', 1)
            self.max_term_ports = data.get('max_term_ports', 20000)
            self.output_dir = data.get('output_dir', 'data/roundtrip')


    class iso:

        def __init__(self, data):

            self.wl_iterations = data.get('wl_iterations', 3)




config_path = os.path.join(os.path.dirname(__file__), '..','..', 'config', 'config.yaml')
config = Config(config_path)
